import os
from app import create_app

app = create_app(os.getenv('NSEM_ENV', 'development'))

if __name__ == '__main__':
    app.run(host='0.0.0.0', port=int(os.getenv('PORT', 5055)), debug=app.config.get('DEBUG', False))
